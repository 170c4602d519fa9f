package org.example.contactpicker;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import android.provider.ContactsContract;

public class ContactPicker extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        JSONObject contact = new JSONObject();
        contact.put("displayName", queryName(ContactsContract.Contacts.CONTENT_URI, args.getString(0)));
        callbackContext.success(contact);
        return true;
    }
}
