package org.example.nativeprefs;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import android.content.SharedPreferences;

public class NativePrefs extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        SharedPreferences prefs = cordova.getActivity().getSharedPreferences("app", 0);
        callbackContext.success(prefs.getString(args.getString(0), ""));
        return true;
    }
}
