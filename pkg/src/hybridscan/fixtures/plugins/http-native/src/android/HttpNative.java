package org.example.httpnative;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import java.net.HttpURLConnection;
import java.net.URL;

public class HttpNative extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        HttpURLConnection conn = (HttpURLConnection) new URL(args.getString(0)).openConnection();
        callbackContext.success(readAll(conn.getInputStream()));
        return true;
    }
}
