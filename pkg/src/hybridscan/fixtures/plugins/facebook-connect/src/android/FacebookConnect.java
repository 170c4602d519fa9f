package org.example.facebookconnect;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import com.facebook.GraphRequest;

public class FacebookConnect extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        GraphRequest req = GraphRequest.newGraphPathRequest(null, args.getString(0), null);
        callbackContext.success(req.executeAndWait().getRawResponse());
        return true;
    }
}
